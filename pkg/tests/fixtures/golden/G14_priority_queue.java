import java.util.PriorityQueue;

class G14 {
    public static void main(String[] args) {
        PriorityQueue<Integer> heap = new PriorityQueue<Integer>();
        heap.add(7);
        heap.add(3);
        System.out.println(heap.poll());
    }
}
