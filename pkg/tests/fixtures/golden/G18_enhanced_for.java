class G18 {
    public static void main(String[] args) {
        int[] values = {1, 2, 3, 4};
        int sum = 0;
        for (int v : values) {
            sum += v;
        }
        System.out.println(sum);
    }
}
