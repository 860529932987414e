class G01 {
    public static void main(String[] args) {
    }
}
