class G07 {
    public static void main(String[] args) {
        int s = 0;
        for (int i = 0; i < 5; i++) {
            s += i;
        }
        while (s > 0) {
            s--;
        }
        do {
            s++;
        } while (s < 3);
        System.out.println(s);
    }
}
